"""
Constants for the API module.
"""

# Default endpoint provider and model
DEFAULT_PROVIDER = "anthropic"
DEFAULT_MODEL = "claude-3-7-sonnet-20250219"
PROVIDERS = ("anthropic", "openai")

# Benchmark runs decode greedily
DEFAULT_TEMPERATURE = 0.0
DEFAULT_MAX_TOKENS = 4096

# Passed to the SDKs, which retry with exponential backoff
DEFAULT_MAX_RETRIES = 3
DEFAULT_TIMEOUT = 120.0

# Environment variable holding the endpoint credential
API_KEY_ENV = "DYMOTIF_API_KEY"
