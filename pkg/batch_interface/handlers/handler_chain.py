"""Handler chain dispatcher for CLI commands."""

from typing import Tuple

from hardy_moments.errors import ConfigParseError

from ..config import RunConfig
from .base_handler import BaseHandler


class HandlerChain:
    """Immutable chain that registers and dispatches commands through handlers."""

    def __init__(self, handlers: Tuple[BaseHandler, ...] = ()):
        self._handlers = tuple(handlers)
        self._setup_chain()

    def _setup_chain(self):
        for i in range(len(self._handlers) - 1):
            self._handlers[i].set_next(self._handlers[i + 1])

    def with_handler(self, handler: BaseHandler) -> 'HandlerChain':
        """Create a new HandlerChain with an additional handler."""
        return HandlerChain(self._handlers + (handler,))

    def with_handlers(self, *handlers: BaseHandler) -> 'HandlerChain':
        """Create a new HandlerChain with multiple additional handlers."""
        return HandlerChain(self._handlers + handlers)

    @classmethod
    def of(cls, *handlers: BaseHandler) -> 'HandlerChain':
        return cls(handlers)

    def configure_parsers(self, subparsers) -> None:
        """Let every handler register its sub-commands."""
        for handler in self._handlers:
            handler.configure_parser(subparsers)

    async def dispatch(self, config: RunConfig) -> int:
        """Dispatch a command to the appropriate handler.

        Raises:
            ConfigParseError: If the chain is empty or no handler accepts the command.
        """
        if not self._handlers:
            raise ConfigParseError("No handlers registered in the chain")
        return await self._handlers[0].handle_request(config)
