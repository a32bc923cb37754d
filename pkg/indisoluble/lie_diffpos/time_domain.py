#!/usr/bin/env python3

"""Continuous and discrete time, shared by consensus checks and systems."""

from enum import Enum


class TimeDomain(Enum):
    CONTINUOUS = "continuous"
    DISCRETE = "discrete"
