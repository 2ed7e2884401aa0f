"""Base handler interface for CLI commands."""

from abc import ABC, abstractmethod
from typing import Optional

from hardy_moments.errors import ConfigParseError

from ..config import RunConfig


class BaseHandler(ABC):
    """Abstract base class for command handlers."""

    def __init__(self, next_handler: Optional['BaseHandler'] = None):
        """Initialize handler with optional next handler in chain.

        Args:
            next_handler: Next handler in the chain of responsibility.
        """
        self._next_handler = next_handler

    def set_next(self, handler: 'BaseHandler') -> 'BaseHandler':
        """Set the next handler in the chain.

        Args:
            handler: The next handler to set.

        Returns:
            The handler that was set, for method chaining.
        """
        self._next_handler = handler
        return handler

    @abstractmethod
    def configure_parser(self, subparsers) -> None:
        """Register this handler's sub-commands and their options.

        Args:
            subparsers: The action returned by ArgumentParser.add_subparsers.
        """

    @abstractmethod
    def can_handle(self, command: str) -> bool:
        """Check if this handler can handle the given command."""

    @abstractmethod
    async def handle(self, config: RunConfig) -> int:
        """Execute the command.

        Args:
            config: Validated run configuration.

        Returns:
            Process exit code.
        """

    async def handle_request(self, config: RunConfig) -> int:
        """Handle request using chain of responsibility pattern.

        Raises:
            ConfigParseError: If no handler in the chain can handle the command.
        """
        if self.can_handle(config.command):
            return await self.handle(config)
        elif self._next_handler:
            return await self._next_handler.handle_request(config)
        else:
            raise ConfigParseError(f"No handler found for command: {config.command}")
