"""
Configuration loading.
Built-in defaults are overlaid with config.yaml and the environment.
"""

import os
import copy
import yaml
from dotenv import load_dotenv

from src.utils.logger import setup_logger

logger = setup_logger()

DATA_ENV_VAR = 'ECDLP_LADDER_DATA'
PACKAGE_DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'data')

DEFAULT_CONFIG = {
    'logging': {'level': 'INFO', 'file': None},
    'seed': None,
    'ladder': {
        'counting_cap': 80,
        'factor_budget': 1 << 20,
        'bsgs_retries': 16,
        'workers': 1,
        'ascending_max_k': 16,
    },
    'rho': {
        'm': 32,
        'budget_multiple': 64,
        'max_walkers': 1,
        'use_negation': True,
        'rho_max_bits': 56,
        'brute_max_bits': 24,
    },
    'shor': {'dense_cap': 64},
    'estimate': {'hardware': 'conservative', 'schedule': 'low-t'},
    'data_dir': None,
}


def _merge(base, override):
    """Recursively overlay override onto a copy of base."""
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path="config.yaml", required=False):
    """
    Load configuration from a YAML file over the built-in defaults.

    Args:
        config_path (str): Path to the configuration file
        required (bool): Raise when the file is missing instead of falling back

    Returns:
        dict: Merged configuration
    """
    load_dotenv()
    if not os.path.exists(config_path):
        if required:
            logger.error(f"Config file not found: {config_path}")
            raise FileNotFoundError(f"Config file not found: {config_path}")
        logger.warning(f"No config file at {config_path}; using defaults")
        return _merge(DEFAULT_CONFIG, {})

    with open(config_path, 'r') as file:
        loaded = yaml.safe_load(file) or {}

    return _merge(DEFAULT_CONFIG, loaded)


def resolve_dataset_dir(config=None):
    """
    Directory holding the dataset CSV files and manifest.yaml.

    ECDLP_LADDER_DATA wins over the config entry, which wins over the
    bundled package data.
    """
    env_dir = os.environ.get(DATA_ENV_VAR)
    if env_dir:
        return env_dir
    if config and config.get('data_dir'):
        return config['data_dir']
    return os.path.join(PACKAGE_DATA_DIR, 'datasets')
