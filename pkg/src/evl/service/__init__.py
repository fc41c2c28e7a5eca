from .config import SessionConfig, load_config
from .engine import Engine
from .app import create_app

__all__ = ["SessionConfig", "load_config", "Engine", "create_app"]
