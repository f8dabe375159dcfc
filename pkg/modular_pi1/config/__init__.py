from .settings import Settings, default_config_dir

__all__ = ['Settings', 'default_config_dir']
