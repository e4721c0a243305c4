"""有限環、2x2 矩陣、射影直線與調和保持映射的演算法核心."""
