"""스핀-1 장 계산 모듈

minkowski → clifford → polarization → strengths → limits / noether → fock
"""
