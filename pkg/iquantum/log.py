import logging

pkg_logger = logging.getLogger(__package__)
