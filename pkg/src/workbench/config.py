"""
Workbench Configuration
Settings for the registry location, elimination cap and sampling, read from
the environment and an optional .env file.
"""

import os
import logging
from pathlib import Path
from typing import Dict, Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
DEFAULT_REGISTRY = PROJECT_ROOT / 'registry'
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def load_config(overrides: Optional[Dict] = None) -> Dict:
    """
    Read the WORKBENCH_* variables.

    Args:
        overrides: Values taking precedence for one invocation, e.g. CLI flags;
            None entries are ignored

    Returns:
        Dictionary with keys registry, max_degree, samples, seed, log_level

    Raises:
        ValueError: If a numeric variable is not an integer or not positive
    """
    config = {
        'registry': Path(os.getenv('WORKBENCH_REGISTRY', str(DEFAULT_REGISTRY))),
        'max_degree': int(os.getenv('WORKBENCH_MAX_DEGREE', '12')),
        'samples': int(os.getenv('WORKBENCH_SAMPLES', '200')),
        'seed': int(os.getenv('WORKBENCH_SEED', '20240101')),
        'log_level': os.getenv('WORKBENCH_LOG_LEVEL', 'INFO').upper(),
    }
    for key, value in (overrides or {}).items():
        if value is not None:
            config[key] = Path(value) if key == 'registry' else value
    for key in ('max_degree', 'samples'):
        if config[key] < 1:
            raise ValueError(f"{key} must be positive, got {config[key]}")
    return config

