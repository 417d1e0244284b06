import pytest
from loguru import logger


@pytest.fixture
def warnings():
    """Messages logged at WARNING or above while the test runs."""
    messages: list[str] = []
    sink = logger.add(lambda m: messages.append(m.record["message"]), level="WARNING")
    yield messages
    logger.remove(sink)
