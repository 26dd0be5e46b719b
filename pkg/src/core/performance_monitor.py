import time
import psutil
from datetime import datetime
from typing import Dict, List
from dataclasses import dataclass, asdict

@dataclass
class CheckMetric:
    label: str
    duration: float
    passed: bool
    memory_percent: float

class VerificationMonitor:
    """Track timing and outcome of verification checks"""

    def __init__(self):
        self.history: List[CheckMetric] = []
        self.active_checks = 0
        self.total_checks = 0
        self.failed_checks = 0
        self.start_time = datetime.now()

    def start_check(self) -> float:
        """Mark start of a check"""
        self.active_checks += 1
        return time.perf_counter()

    def end_check(self, label: str, start_time: float, passed: bool = True) -> float:
        """Mark end of a check and return its duration"""
        self.active_checks = max(0, self.active_checks - 1)
        self.total_checks += 1
        if not passed:
            self.failed_checks += 1

        duration = time.perf_counter() - start_time
        self.history.append(CheckMetric(
            label=label,
            duration=duration,
            passed=passed,
            memory_percent=psutil.virtual_memory().percent
        ))

        # Keep only last 200 checks
        if len(self.history) > 200:
            self.history = self.history[-200:]
        return duration

    def get_current_stats(self) -> Dict:
        """Get current performance statistics"""
        uptime = datetime.now() - self.start_time
        durations = [m.duration for m in self.history]

        return {
            "uptime_seconds": uptime.total_seconds(),
            "uptime_formatted": str(uptime).split('.')[0],
            "total_checks": self.total_checks,
            "failed_checks": self.failed_checks,
            "pass_rate": (self.total_checks - self.failed_checks) / max(self.total_checks, 1),
            "active_checks": self.active_checks,
            "avg_duration": sum(durations) / max(len(durations), 1),
            "slowest_check": max(self.history, key=lambda m: m.duration).label if self.history else None,
            "cpu_percent": psutil.cpu_percent(),
            "memory_percent": psutil.virtual_memory().percent,
            "process_rss_mb": psutil.Process().memory_info().rss / 2**20
        }

    def get_check_history(self) -> List[Dict]:
        """Get the most recent check metrics"""
        return [asdict(metric) for metric in self.history[-20:]]

# Global verification monitor
verification_monitor = VerificationMonitor()
