import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

class Settings:
    """Application settings and configuration"""

    # Project Settings
    PROJECT_NAME: str = os.getenv("PROJECT_NAME", "RWPS Verifier")
    ENVIRONMENT: str = os.getenv("ENVIRONMENT", "development")
    DEBUG: bool = os.getenv("DEBUG", "false").lower() == "true"
    TOOL_VERSION: str = os.getenv("TOOL_VERSION", "1.0.0")

    # Logging
    LOG_DIR: str = os.getenv("LOG_DIR", "./logs")
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Exact arithmetic
    ORACLE_MAX_DEGREE: int = int(os.getenv("ORACLE_MAX_DEGREE", "30"))

    # Floating point diagnostics (spectrum module only)
    EIGENVALUE_TOLERANCE: float = float(os.getenv("EIGENVALUE_TOLERANCE", "1e-12"))
    SYMMETRY_TOLERANCE: float = float(os.getenv("SYMMETRY_TOLERANCE", "1e-10"))
    RANGE_TOLERANCE: float = float(os.getenv("RANGE_TOLERANCE", "1e-8"))
    TOP_GAP_THRESHOLD: float = float(os.getenv("TOP_GAP_THRESHOLD", "1e-3"))
    COMPACTNESS_THRESHOLD: float = float(os.getenv("COMPACTNESS_THRESHOLD", "1e-6"))
    HISTOGRAM_BINS: int = int(os.getenv("HISTOGRAM_BINS", "20"))

    # API
    API_HOST: str = os.getenv("API_HOST", "0.0.0.0")
    API_PORT: int = int(os.getenv("API_PORT", "8000"))

# Global settings instance
settings = Settings()
