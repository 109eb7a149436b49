"""검증 리포트 및 스위트"""
