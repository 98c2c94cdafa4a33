from dataclasses import dataclass
from hashlib import sha256
import logging
import os
import pickle
from functools import wraps
from pathlib import Path

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

_DEFAULTS = {
    "g_use_cache": False,
    "g_cache_folder": "cache",
    "g_blow_cache": False,
    "g_debug_mode": False,
    "g_check_well_defined": True,
    "g_log_level": "WARNING",
}

_ENV_KEYS = {
    "CLEFT_USE_CACHE": "g_use_cache",
    "CLEFT_CACHE_FOLDER": "g_cache_folder",
    "CLEFT_BLOW_CACHE": "g_blow_cache",
    "CLEFT_DEBUG": "g_debug_mode",
    "CLEFT_CHECK_WELL_DEFINED": "g_check_well_defined",
    "CLEFT_LOG_LEVEL": "g_log_level",
}


def get_project_root():
    """Get the absolute path to the project root directory."""
    # tools/set_runtime.py -> tools -> project_root
    current_file = Path(__file__)
    return str(current_file.parent.parent)


def resolve_path(path):
    """Convert relative path to absolute path based on project root."""
    if path is None:
        return None
    path = str(path)
    if os.path.isabs(path):
        return path
    return str(Path(get_project_root()) / path)


@dataclass
class RuntimeEnv:
    g_use_cache: bool = False
    g_cache_folder: str = "cache"
    g_blow_cache: bool = False
    g_debug_mode: bool = False
    g_check_well_defined: bool = True
    g_log_level: str = "WARNING"


def set_runtime(**kwargs):
    unknown = set(kwargs) - set(_DEFAULTS)
    if unknown:
        raise ValueError(f"unknown runtime variables: {sorted(unknown)}")
    if "g_cache_folder" in kwargs:
        kwargs["g_cache_folder"] = resolve_path(kwargs["g_cache_folder"])

    for key, value in kwargs.items():
        globals()[key] = value

    if "g_log_level" in kwargs:
        logging.getLogger("tools").setLevel(str(kwargs["g_log_level"]).upper())
        logging.getLogger("data").setLevel(str(kwargs["g_log_level"]).upper())


def get_runtime() -> RuntimeEnv:
    global_var = globals()
    return RuntimeEnv(**{k: global_var.get(k, v) for k, v in _DEFAULTS.items()})


def _as_bool(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


def load_runtime_from_env(path=None) -> RuntimeEnv:
    """Apply CLEFT_* variables from the environment (and an optional .env file)."""
    load_dotenv(dotenv_path=path)
    updates = {}
    for env_key, name in _ENV_KEYS.items():
        value = os.getenv(env_key)
        if value is None:
            continue
        updates[name] = _as_bool(value) if isinstance(_DEFAULTS[name], bool) else value
    if updates:
        set_runtime(**updates)
    return get_runtime()


def load_store_from_cache(func):
    # Cache key: function name, plain arguments and the signature of every
    # argument exposing update_signature().
    @wraps(func)
    def wrapper(*args, **kwargs):
        runtime_vars = get_runtime()
        if not runtime_vars.g_use_cache:
            return func(*args, **kwargs)

        arg_signatures = []
        plain = []
        for arg in list(args) + [v for _, v in sorted(kwargs.items())]:
            if hasattr(arg, "update_signature"):
                arg_signatures.append(arg.update_signature())
            else:
                plain.append(repr(arg))
        unique_str = "_".join([func.__module__, func.__name__] + plain)
        signature = sha256(
            unique_str.encode("utf-8") + "_".join(arg_signatures).encode("utf-8")
        ).hexdigest()

        cache_folder = resolve_path(runtime_vars.g_cache_folder)
        pkl_file = os.path.join(cache_folder, func.__name__ + "_" + signature + ".pkl")
        if not os.path.isdir(cache_folder):
            logger.info(f"Cache folder does not exist! Creating cache folder: {cache_folder}")
            os.makedirs(cache_folder)

        if not runtime_vars.g_blow_cache and os.path.exists(pkl_file):
            logger.debug(f"Read from cache file: {pkl_file}...")
            with open(pkl_file, "rb") as file:
                return pickle.load(file)

        ret = func(*args, **kwargs)
        logger.debug(f"Store to cache file: {pkl_file}...")
        with open(pkl_file, "wb") as file:
            pickle.dump(ret, file, protocol=4)
        return ret

    return wrapper
