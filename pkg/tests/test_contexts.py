import asyncio
import logging

import pytest

from iquantum import contexts

logger = logging.getLogger('iquantum.test')


def test_unhandled_exception_is_recorded(caplog):
    failures = []

    async def check():
        async with contexts.log_unhandled_exc(logger, failures):
            raise ValueError('boom')
        return 'done'

    with caplog.at_level(logging.ERROR):
        assert asyncio.run(check()) == 'done'
    assert failures == [{'error': 'ValueError', 'message': 'boom'}]
    assert 'Unexpected error' in caplog.text


def test_cancellation_propagates():
    async def check():
        async with contexts.log_unhandled_exc(logger):
            raise asyncio.CancelledError

    with pytest.raises(asyncio.CancelledError):
        asyncio.run(check())


def test_log_duration(caplog):
    with caplog.at_level(logging.INFO, logger='iquantum.test'):
        with contexts.log_duration(logger, 'Counting'):
            pass
    assert 'Counting took' in caplog.text
