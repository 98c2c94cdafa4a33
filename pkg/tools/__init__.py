from .set_runtime import set_runtime, get_runtime, load_runtime_from_env
