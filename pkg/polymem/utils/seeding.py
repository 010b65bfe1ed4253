import numpy as np


def derive_seed(seed: int, *path: int) -> int:
    """
    Derive an independent child seed.

    Args:
        seed: Parent seed
        path: Spawn key, e.g. the generator index

    Returns:
        A 63-bit seed that depends only on the parent and the path
    """
    state = np.random.SeedSequence(entropy=seed, spawn_key=tuple(path)).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 31) ^ int(state[1])


def rng_for(seed: int, *path: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(path)))
