# This file will save all the default settings

import copy
import json
import os
import sys
from pathlib import Path

from dotenv import load_dotenv

# MODULAR_PI1_HOME may also come from a .env file in the working directory
load_dotenv()


def default_config_dir() -> Path:
    """Config directory, overridable through MODULAR_PI1_HOME."""
    override = os.environ.get("MODULAR_PI1_HOME")
    if override:
        return Path(override)
    return Path.home() / ".modular_pi1"


class Settings:
    def __init__(self):
        # default values
        self._defaults = {
            "run": {
                "safety_limit": 10000,  # largest prime accepted by --range / --prime
                "jobs": 1,  # worker processes for range sweeps
                "format": "text",  # text, json, csv
            },
            "cache": {
                "cache_dir": None,  # census cache directory, None disables caching
                "format_version": 1,  # bump when the census JSON layout changes
            },
            "logging": {
                "level": "WARNING",
                "file_output": False,  # also write <config_dir>/logs/<name>.log
            },
        }

        self.config_dir = default_config_dir()
        self.config_file = self.config_dir / "modular_pi1_config.json"

        self._settings = copy.deepcopy(self._defaults)
        self._load_settings()

    def _load_settings(self):
        """Merge the user config file over the defaults."""
        if self.config_file.exists():
            try:
                with open(self.config_file, "r", encoding="utf-8") as f:
                    user_settings = json.load(f)
                self._update_nested_dict(self._settings, user_settings)
            except (OSError, ValueError) as e:
                print(f"Error loading config file {self.config_file}: {e}", file=sys.stderr)

    def _save_settings(self):
        """Write the current settings to the config file."""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, "w", encoding="utf-8") as f:
                json.dump(self._settings, f, indent=4, ensure_ascii=False)
        except OSError as e:
            print(f"Error saving config file {self.config_file}: {e}", file=sys.stderr)

    def _update_nested_dict(self, d1, d2):
        """Recursively merge d2 into d1."""
        for k, v in d2.items():
            if k in d1 and isinstance(d1[k], dict) and isinstance(v, dict):
                self._update_nested_dict(d1[k], v)
            else:
                d1[k] = v

    def get(self, section, key):
        return self._settings.get(section, {}).get(key)

    def set(self, section, key, value):
        if section in self._settings and key in self._settings[section]:
            self._settings[section][key] = value
            self._save_settings()
        else:
            raise KeyError(f"Invalid setting: {section}.{key}")

    def get_all(self):
        return copy.deepcopy(self._settings)

    def reset_to_defaults(self):
        self._settings = copy.deepcopy(self._defaults)
        self._save_settings()
