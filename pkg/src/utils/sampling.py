"""
随机样本生成
==========
交叉校验、反例搜索和性质测试共用的可复现随机输入。

- 正实数对：量级在 [1e-3, 1e3] 上对数均匀分布，同时覆盖齐次性
- 权重 t：[1/2, 1) 上均匀分布
- 幂次 p：[1/2, p_max) 上均匀分布

使用示例：
    from src.utils.sampling import make_rng, sample_pairs

    rng = make_rng(20120101)
    pairs = sample_pairs(rng, 1000)     # shape (1000, 2)
"""
from typing import Optional

import numpy as np

PAIR_LOW = 1e-3
PAIR_HIGH = 1e3


def make_rng(seed: Optional[int]) -> np.random.Generator:
    """固定种子的随机数生成器"""
    return np.random.default_rng(seed)


def sample_pairs(rng: np.random.Generator, n: int,
                 low: float = PAIR_LOW, high: float = PAIR_HIGH) -> np.ndarray:
    """对数均匀分布的正实数对，shape (n, 2)"""
    logs = rng.uniform(np.log(low), np.log(high), size=(n, 2))
    return np.exp(logs)


def sample_weights(rng: np.random.Generator, n: int) -> np.ndarray:
    """t ∈ [1/2, 1)"""
    return rng.uniform(0.5, 1.0, size=n)


def sample_exponents(rng: np.random.Generator, n: int, p_max: float = 10.0) -> np.ndarray:
    """p ∈ [1/2, p_max)"""
    return rng.uniform(0.5, p_max, size=n)
