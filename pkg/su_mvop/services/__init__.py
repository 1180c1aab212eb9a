"""服務模組。"""
