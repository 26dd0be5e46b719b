import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional
import json

from core.config import settings

class ProductionLogger:
    """Structured logging for verification runs"""

    def __init__(self, name: str = "rwps_verifier"):
        self.logger = logging.getLogger(name)
        self.setup_logging()

    def setup_logging(self):
        """Configure structured logging"""

        # Clear existing handlers
        self.logger.handlers.clear()
        self.logger.setLevel(settings.LOG_LEVEL)
        self.logger.propagate = False

        # Custom formatter for structured logging
        formatter = logging.Formatter(
            '%(asctime)s | %(levelname)8s | %(name)s | %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        # File handler for all logs
        if settings.LOG_DIR:
            log_dir = Path(settings.LOG_DIR)
            log_dir.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(
                log_dir / f"rwps_verifier_{datetime.now().strftime('%Y%m%d')}.log"
            )
            file_handler.setLevel(settings.LOG_LEVEL)
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

        # Console handler on stderr; stdout carries the exact reports
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(logging.DEBUG if settings.DEBUG else logging.WARNING)
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

    def log_check(self, label: str, passed: bool, duration: float,
                  witness: Optional[dict] = None):
        """Log the outcome of one criterion or acceptance item"""
        log_data = {
            "event_type": "check_completed",
            "label": label,
            "passed": passed,
            "duration": round(duration, 6),
            "witness": witness or {},
            "timestamp": datetime.now().isoformat()
        }

        if passed:
            self.logger.info(f"CHECK_PASSED | {json.dumps(log_data)}")
        else:
            self.logger.warning(f"CHECK_FAILED | {json.dumps(log_data)}")

    def log_system_event(self, event: str, details: dict = None):
        """Log system events"""
        log_data = {
            "event_type": "system_event",
            "event": event,
            "details": details or {},
            "timestamp": datetime.now().isoformat()
        }

        self.logger.info(f"SYSTEM_EVENT | {json.dumps(log_data, default=str)}")

    def log_error(self, error: Exception, context: str = ""):
        """Log errors with context"""
        log_data = {
            "event_type": "error",
            "error_type": type(error).__name__,
            "error_message": str(error),
            "context": context,
            "timestamp": datetime.now().isoformat()
        }

        self.logger.error(f"ERROR | {json.dumps(log_data)}")

# Global logger instance
logger = ProductionLogger()
