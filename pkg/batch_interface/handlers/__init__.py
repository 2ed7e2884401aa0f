"""Command handlers for the batch interface."""

from .base_handler import BaseHandler
from .handler_chain import HandlerChain
from .sweep_handler import SweepHandler
from .table_handler import TableHandler
from .verify_handler import VerifyHandler

__all__ = ['BaseHandler', 'HandlerChain', 'SweepHandler', 'TableHandler', 'VerifyHandler']
