"""
Configuration management for dlgeom.
"""

import os
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from .i18n import _

logger = logging.getLogger(__name__)

# Library defaults. Library code only ever reads these; the user's config
# file is applied by the CLI.
DEFAULT_RADIUS_CAP = 24
DEFAULT_GEODESIC_CAP = 14
DEFAULT_MAX_BALL_RADIUS = 8
DEFAULT_RAY_GEODESIC_CAP = {'2': 12, '3': 12, '4': 10}

SCALES = ('smoke', 'desk')
SEED_ENV_VAR = 'DL_SEED'


class ConfigManager:
    """Manages configuration settings for dlgeom."""

    def __init__(self, config_dir: Optional[Path] = None):
        self.config_dir = Path(config_dir) if config_dir else self._get_config_dir()
        self.config_file = self.config_dir / 'config.json'
        self.config = self._load_config()

    def _get_config_dir(self) -> Path:
        """Get the configuration directory path."""
        if os.name == 'nt':  # Windows
            return Path(os.environ.get('APPDATA', '')) / 'dl'
        return Path.home() / '.config' / 'dl'

    def _load_config(self) -> Dict:
        """Load configuration from file, filling in missing keys."""
        config = self._get_default_config()
        if self.config_file.exists():
            try:
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    config.update(json.load(f))
            except (json.JSONDecodeError, IOError) as e:
                logger.warning(_('Failed to load config file, using defaults: {}').format(e))
        return config

    def _get_default_config(self) -> Dict:
        """Get default configuration."""
        return {
            'radius_cap': DEFAULT_RADIUS_CAP,
            'geodesic_cap': DEFAULT_GEODESIC_CAP,
            'max_ball_radius': DEFAULT_MAX_BALL_RADIUS,
            'ray_geodesic_cap': dict(DEFAULT_RAY_GEODESIC_CAP),
            'seed': 0,
            'scale': 'desk',
            'language': 'auto'
        }

    def save_config(self) -> None:
        """Save configuration to file."""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(self.config, f, indent=2, ensure_ascii=False)
        except IOError as e:
            raise IOError(_('Failed to save config: {}').format(e))

    def get_radius_cap(self) -> int:
        """Get the BFS distance cap."""
        return int(self.config.get('radius_cap', DEFAULT_RADIUS_CAP))

    def set_radius_cap(self, cap: int) -> None:
        """Set the BFS distance cap."""
        self.config['radius_cap'] = _nonnegative(cap, 'radius_cap')
        self.save_config()

    def get_geodesic_cap(self) -> int:
        """Get the path-length cap for geodesic checks."""
        return int(self.config.get('geodesic_cap', DEFAULT_GEODESIC_CAP))

    def set_geodesic_cap(self, cap: int) -> None:
        """Set the path-length cap for geodesic checks."""
        self.config['geodesic_cap'] = _nonnegative(cap, 'geodesic_cap')
        self.save_config()

    def get_max_ball_radius(self) -> int:
        """Get the largest ball radius the CLI will build."""
        return int(self.config.get('max_ball_radius', DEFAULT_MAX_BALL_RADIUS))

    def set_max_ball_radius(self, radius: int) -> None:
        """Set the largest ball radius the CLI will build."""
        self.config['max_ball_radius'] = _nonnegative(radius, 'max_ball_radius')
        self.save_config()

    def get_ray_geodesic_cap(self, d: int) -> int:
        """Get the truncation cap for ray geodesity checks in DL_d."""
        caps = self.config.get('ray_geodesic_cap', DEFAULT_RAY_GEODESIC_CAP)
        return int(caps.get(str(d), min(int(c) for c in caps.values())))

    def get_seed(self, override: Optional[int] = None) -> int:
        """Resolve the seed: explicit value, then DL_SEED, then the config file."""
        if override is not None:
            return override
        env_seed = os.environ.get(SEED_ENV_VAR)
        if env_seed:
            try:
                return int(env_seed)
            except ValueError:
                logger.warning(_('Ignoring non-integer {}: {}').format(SEED_ENV_VAR, env_seed))
        return int(self.config.get('seed', 0))

    def set_seed(self, seed: int) -> None:
        """Set the default seed."""
        self.config['seed'] = _nonnegative(seed, 'seed')
        self.save_config()

    def get_scale(self) -> str:
        """Get the default verify scale."""
        scale = self.config.get('scale', 'desk')
        return scale if scale in SCALES else 'desk'

    def set_scale(self, scale: str) -> None:
        """Set the default verify scale."""
        if scale not in SCALES:
            raise ValueError(_('Unknown scale: {}').format(scale))
        self.config['scale'] = scale
        self.save_config()

    def get_language(self) -> str:
        """Get the configured language."""
        return self.config.get('language', 'auto')

    def set_language(self, language: str) -> None:
        """Set the language."""
        self.config['language'] = language
        self.save_config()

    def set_value(self, key: str, value: str) -> None:
        """Set a setting from its textual value (used by `dl config set`)."""
        setters = {
            'radius_cap': lambda v: self.set_radius_cap(int(v)),
            'geodesic_cap': lambda v: self.set_geodesic_cap(int(v)),
            'max_ball_radius': lambda v: self.set_max_ball_radius(int(v)),
            'seed': lambda v: self.set_seed(int(v)),
            'scale': self.set_scale,
            'language': self.set_language,
        }
        if key not in setters:
            raise KeyError(key)
        setters[key](value)

    def as_dict(self) -> Dict[str, Any]:
        """Get a copy of the effective configuration."""
        return json.loads(json.dumps(self.config))

    def reset_to_defaults(self) -> None:
        """Reset configuration to defaults."""
        self.config = self._get_default_config()
        self.save_config()


def _nonnegative(value: int, name: str) -> int:
    if value < 0:
        raise ValueError(_('{} must be nonnegative').format(name))
    return value


_config_manager = None


def get_config_manager() -> ConfigManager:
    """Get global config manager instance"""
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager()
    return _config_manager
