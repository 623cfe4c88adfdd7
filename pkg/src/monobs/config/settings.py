#!/usr/bin/env python3
"""
Configuration management for monobs.
Centralizes environment variables and computation defaults.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Logging Configuration
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
DEBUG_MODE = os.getenv('DEBUG_MODE', 'False').lower() == 'true'

# Root extraction
BOX_MULTIPLIER = int(os.getenv('MONOBS_BOX_MULTIPLIER', '2'))
STABILIZATION_RUNS = int(os.getenv('MONOBS_STABILIZATION_RUNS', '3'))
SAMPLE_BUDGET = int(os.getenv('MONOBS_SAMPLE_BUDGET', '64'))

# Periodicity of e -> nu(p^(e+1)) - p*nu(p^e)
PERIODICITY_DEPTH = int(os.getenv('MONOBS_PERIODICITY_DEPTH', '8'))

# Branch-and-bound node cap per integer program
MAX_BRANCH_NODES = int(os.getenv('MONOBS_MAX_BRANCH_NODES', '200000'))

# Worker processes for per-cone / per-tuple work
JOBS = int(os.getenv('MONOBS_JOBS', '1'))

# Shipped ideal corpus
DEFAULT_IDEALS_DIR = os.getenv(
    'MONOBS_IDEALS_DIR',
    str(Path(__file__).parent.parent.parent.parent / "data" / "ideals"),
)

# Reference b-functions of the shipped ideals, as roots with multiplicities
BFUNCTIONS_PATH = os.getenv(
    'MONOBS_BFUNCTIONS_PATH',
    str(Path(__file__).parent.parent.parent.parent / "data" / "bfunctions.json"),
)


def get_ideal_path(name: str) -> Path:
    """Get the path of a shipped ideal document by its stem (e.g. 'ex2')."""
    return Path(DEFAULT_IDEALS_DIR) / f"{name}.json"


def validate_config() -> dict:
    """Validate configuration and return status."""
    issues = []

    numeric = {
        "MONOBS_BOX_MULTIPLIER": BOX_MULTIPLIER,
        "MONOBS_STABILIZATION_RUNS": STABILIZATION_RUNS,
        "MONOBS_SAMPLE_BUDGET": SAMPLE_BUDGET,
        "MONOBS_PERIODICITY_DEPTH": PERIODICITY_DEPTH,
        "MONOBS_MAX_BRANCH_NODES": MAX_BRANCH_NODES,
        "MONOBS_JOBS": JOBS,
    }
    for name, value in numeric.items():
        if value < 1:
            issues.append(f"{name} must be positive (got {value})")

    if SAMPLE_BUDGET < STABILIZATION_RUNS:
        issues.append("MONOBS_SAMPLE_BUDGET is smaller than MONOBS_STABILIZATION_RUNS")

    if not Path(DEFAULT_IDEALS_DIR).is_dir():
        issues.append(f"Ideal corpus directory not found: {DEFAULT_IDEALS_DIR}")

    return {
        "valid": len(issues) == 0,
        "issues": issues,
        "log_level": LOG_LEVEL,
        "box_multiplier": BOX_MULTIPLIER,
        "stabilization_runs": STABILIZATION_RUNS,
        "jobs": JOBS,
    }
