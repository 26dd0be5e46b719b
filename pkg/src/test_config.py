from core.config import settings
from core.logger import logger
from core.performance_monitor import verification_monitor

def test_config():
    print(f"📋 Project: {settings.PROJECT_NAME}")
    print(f"🌍 Environment: {settings.ENVIRONMENT}")
    print(f"🔢 Oracle degree bound: {settings.ORACLE_MAX_DEGREE}")
    print(f"📁 Log directory: {settings.LOG_DIR or '(file logging disabled)'}")

    assert settings.ORACLE_MAX_DEGREE >= 24
    assert 0 < settings.EIGENVALUE_TOLERANCE < settings.SYMMETRY_TOLERANCE < settings.RANGE_TOLERANCE
    assert settings.HISTOGRAM_BINS > 0
    print("🚀 Configuration looks good!")

def test_monitor_records_checks():
    before = verification_monitor.total_checks
    start = verification_monitor.start_check()
    duration = verification_monitor.end_check("config-smoke", start, passed=False)
    logger.log_check("config-smoke", False, duration, {"n": 3})

    stats = verification_monitor.get_current_stats()
    assert stats["total_checks"] == before + 1
    assert stats["failed_checks"] >= 1
    assert verification_monitor.get_check_history()[-1]["label"] == "config-smoke"
    print(f"📊 Monitor: {stats['total_checks']} checks, {stats['process_rss_mb']:.1f} MB")

if __name__ == "__main__":
    test_config()
    test_monitor_records_checks()
