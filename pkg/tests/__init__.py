"""su_mvop 單元測試。"""
