"""설정 관리"""
