"""
Unit tests for the global logger and its decorators
"""
import unittest
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..','..')))

from core.logger import logger, logged, log_aware, LogLevel


class TestLogLevel(unittest.TestCase):

    def test_normalize_accepts_any_case(self):
        self.assertEqual(LogLevel.normalize('info'), LogLevel.INFO)
        self.assertEqual(LogLevel.normalize(' Debug '), LogLevel.DEBUG)

    def test_normalize_maps_warn(self):
        self.assertEqual(LogLevel.normalize('warn'), LogLevel.WARNING)

    def test_normalize_rejects_unknown(self):
        with self.assertRaises(ValueError):
            LogLevel.normalize('verbose')


class TestLogger(unittest.TestCase):

    def setUp(self):
        self.messages = []
        self.previous_level = logger.level
        logger.set_output_handler(self.messages.append)
        logger.set_level(LogLevel.DEBUG)

    def tearDown(self):
        logger.set_output_handler(None)
        logger.set_level(self.previous_level)
        logger.set_enabled(True)

    def test_message_carries_level_and_component(self):
        logger.info("walk started", "Test")

        self.assertEqual(len(self.messages), 1)
        self.assertIn("INFO", self.messages[0])
        self.assertIn("[Test]", self.messages[0])
        self.assertIn("walk started", self.messages[0])

    def test_level_filters_lower_messages(self):
        logger.set_level(LogLevel.WARNING)
        logger.debug("hidden")
        logger.info("hidden")
        logger.warning("shown")
        logger.error("shown")

        self.assertEqual(len(self.messages), 2)

    def test_disabled_logger_is_silent(self):
        logger.set_enabled(False)
        logger.error("nothing")

        self.assertEqual(self.messages, [])

    def test_logged_function_records_call(self):
        @logged(LogLevel.DEBUG, log_args=True, log_result=True)
        def add(x, y):
            return x + y

        self.assertEqual(add(2, 3), 5)
        self.assertTrue(any("add(2, 3)" in m for m in self.messages))
        self.assertTrue(any("-> 5" in m for m in self.messages))

    def test_logged_reraises(self):
        @logged()
        def broken():
            raise ValueError("bad input")

        with self.assertRaises(ValueError):
            broken()
        self.assertTrue(any("raised ValueError" in m for m in self.messages))

    def test_log_aware_injects_component(self):
        @log_aware("Worker")
        class Worker:
            def __init__(self, value):
                self.value = value

            @logged(LogLevel.INFO)
            def run(self):
                self.info(f"value={self.value}")
                return self.value

        worker = Worker(7)
        self.assertEqual(worker.run(), 7)
        self.assertTrue(all("[Worker]" in m for m in self.messages))
        self.assertTrue(any("value=7" in m for m in self.messages))


if __name__ == '__main__':
    unittest.main(verbosity=2)
