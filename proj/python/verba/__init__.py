"""Exact word calculus in free products of finite groups."""

from _verba import *  # noqa: F401,F403
from _verba import __doc__  # noqa: F401
