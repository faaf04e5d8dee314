import os

DEFAULT_DEPTH = 16
DEFAULT_FUEL_FACTOR = 64
DEFAULT_ROUNDS = 4
DEFAULT_SEED = 1729
DEFAULT_SAMPLES = 1000
DEFAULT_ALPHABET = 4
DEFAULT_MAX_WORD_LENGTH = 3
DEFAULT_MAX_ATTEMPTS = 20


def _env_int(key, default):
    value = os.environ.get(key)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        return default


def get_evaluation_config():
    """
    Returns a dictionary with the evaluation defaults.
    """
    return {
        "depth": _env_int("DISKERNEL_DEPTH", DEFAULT_DEPTH),
        "fuel_factor": _env_int("DISKERNEL_FUEL_FACTOR", DEFAULT_FUEL_FACTOR),
        "rounds": _env_int("DISKERNEL_ROUNDS", DEFAULT_ROUNDS),
        "seed": _env_int("DISKERNEL_SEED", DEFAULT_SEED),
        "samples": _env_int("DISKERNEL_SAMPLES", DEFAULT_SAMPLES),
    }


def get_sampling_config():
    """
    Returns a dictionary with the sampling configuration for inputs and opponents.
    """
    return {
        "alphabet": _env_int("DISKERNEL_ALPHABET", DEFAULT_ALPHABET),
        "max_word_length": _env_int("DISKERNEL_MAX_WORD_LENGTH", DEFAULT_MAX_WORD_LENGTH),
        "max_attempts": _env_int("DISKERNEL_MAX_ATTEMPTS", DEFAULT_MAX_ATTEMPTS),
    }


def get_logging_config():
    """
    Returns a dictionary with the logging and metrics output configuration.
    """
    return {
        "json": os.environ.get("DISKERNEL_LOG_JSON", "false").lower() in ("true", "1", "yes", "on"),
        "level": os.environ.get("LOG_LEVEL", "WARNING").upper(),
        "metrics_file": os.environ.get("DISKERNEL_METRICS_FILE") or None,
    }


def default_fuel(depth, fuel_factor=None):
    """
    Fuel schedule for evaluation commands: fuel_factor * depth.
    """
    if fuel_factor is None:
        fuel_factor = get_evaluation_config()["fuel_factor"]
    return fuel_factor * depth


def validate_evaluation_config():
    """
    Validates the evaluation and sampling configuration.
    """
    warnings = []
    config = get_evaluation_config()
    for key in ("depth", "fuel_factor", "rounds", "samples"):
        if not isinstance(config[key], int) or config[key] <= 0:
            warnings.append(f"DISKERNEL_{key.upper()} must be a positive integer.")
    if config["seed"] < 0:
        warnings.append("DISKERNEL_SEED must be a non-negative integer.")
    sampling = get_sampling_config()
    for key in ("alphabet", "max_word_length", "max_attempts"):
        if sampling[key] <= 0:
            warnings.append(f"DISKERNEL_{key.upper()} must be a positive integer.")
    return warnings
