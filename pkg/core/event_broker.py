"""
EventBroker - named publish/subscribe channels with class-level injection.

Library code publishes diagnostics (closed-form mismatches, sweep progress)
without knowing who listens; the CLI and the tests subscribe.
"""

import itertools
import threading
from enum import Enum
from functools import wraps
from typing import Callable, Dict, List, Optional, Type

from core.logger import logger


class EventPriority(Enum):
    """Higher value runs first"""
    LOW = 1
    NORMAL = 2
    HIGH = 3
    CRITICAL = 4


class EventBroker:
    """
    Thread-safe event broker. Subscribers are called in priority order;
    an exception in one subscriber goes to its error handler (or the log)
    and never stops delivery to the others.
    """

    _instances: Dict[str, 'EventBroker'] = {}
    _registry_lock = threading.Lock()

    def __init__(self, name: str = "default"):
        self.name = name
        self._subscribers: Dict[str, List[dict]] = {}
        self._lock = threading.RLock()
        self._ids = itertools.count(1)

    @classmethod
    def get_broker(cls, name: str = "default") -> 'EventBroker':
        """Get or create a named event broker"""
        with cls._registry_lock:
            if name not in cls._instances:
                cls._instances[name] = EventBroker(name)
            return cls._instances[name]

    @classmethod
    def get_default(cls) -> 'EventBroker':
        return cls.get_broker("default")

    def subscribe(self, event_type: str, callback: Callable,
                  priority: EventPriority = EventPriority.NORMAL,
                  error_handler: Optional[Callable[[Exception], None]] = None) -> str:
        """Subscribe to an event, returns the subscription id"""
        subscription_id = f"{self.name}:{next(self._ids)}"
        subscriber = {
            'id': subscription_id,
            'callback': callback,
            'priority': priority,
            'error_handler': error_handler,
        }

        with self._lock:
            bucket = self._subscribers.setdefault(event_type, [])
            bucket.append(subscriber)
            # stable sort keeps subscription order within a priority
            bucket.sort(key=lambda s: s['priority'].value, reverse=True)

        return subscription_id

    def unsubscribe(self, event_type: str, subscription_id: str = None, callback: Callable = None) -> bool:
        """Unsubscribe by id or by callback"""
        with self._lock:
            bucket = self._subscribers.get(event_type)
            if not bucket:
                return False

            before = len(bucket)
            if subscription_id:
                bucket[:] = [s for s in bucket if s['id'] != subscription_id]
            elif callback:
                bucket[:] = [s for s in bucket if s['callback'] != callback]
            return len(bucket) < before

    def publish(self, event_type: str, *args, **kwargs) -> int:
        """Publish an event, returns the number of subscribers that succeeded"""
        with self._lock:
            subscribers = list(self._subscribers.get(event_type, ()))

        delivered = 0
        for subscriber in subscribers:
            try:
                subscriber['callback'](*args, **kwargs)
                delivered += 1
            except Exception as e:
                handler = subscriber['error_handler']
                if handler is None:
                    logger.error(f"Subscriber for '{event_type}' failed: {e}", f"EventBroker[{self.name}]")
                    continue
                try:
                    handler(e)
                except Exception as handler_error:
                    logger.error(f"Error handler for '{event_type}' failed: {handler_error}",
                                 f"EventBroker[{self.name}]")

        return delivered

    def has_subscribers(self, event_type: str) -> bool:
        with self._lock:
            return bool(self._subscribers.get(event_type))

    def clear(self, event_type: str = None) -> None:
        """Drop subscribers of one event, or of all events"""
        with self._lock:
            if event_type is None:
                self._subscribers.clear()
            else:
                self._subscribers.pop(event_type, None)


def event_aware(broker_name: str = "default"):
    """
    Class decorator that injects emit/listen/stop_listening bound to a named broker
    """

    def decorator(cls: Type) -> Type:
        original_init = cls.__init__

        @wraps(original_init)
        def new_init(self, *args, **kwargs):
            self._event_broker = EventBroker.get_broker(broker_name)
            self._subscriptions: List[tuple] = []
            original_init(self, *args, **kwargs)

        cls.__init__ = new_init

        def emit(self, event_type: str, *args, **kwargs) -> int:
            return self._event_broker.publish(event_type, *args, **kwargs)

        def listen(self, event_type: str, callback: Callable,
                   priority: EventPriority = EventPriority.NORMAL,
                   error_handler: Optional[Callable[[Exception], None]] = None) -> str:
            subscription_id = self._event_broker.subscribe(event_type, callback, priority, error_handler)
            self._subscriptions.append((event_type, subscription_id))
            return subscription_id

        def stop_listening(self) -> None:
            """Drop every subscription made through listen()"""
            for event_type, subscription_id in self._subscriptions:
                self._event_broker.unsubscribe(event_type, subscription_id)
            self._subscriptions = []

        cls.emit = emit
        cls.listen = listen
        cls.stop_listening = stop_listening

        return cls

    return decorator
