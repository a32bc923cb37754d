#!/usr/bin/env python3

import math

import pytest

from indisoluble.lie_diffpos.tools.is_valid_number import (
    is_valid_number,
    is_valid_open_unit,
    is_valid_positive_number,
)

_NOT_A_NUMBER = [True, None, "1.0", math.nan, math.inf, -math.inf, [1.0]]
_NOT_A_NUMBER_IDS = ["bool", "none", "string", "nan", "inf", "-inf", "list"]


class TestIsValidNumber:
    @pytest.mark.parametrize("value", [0, -3, 2.5, 1e-300, -1e300])
    def test_accepts_finite_reals(self, value):
        assert is_valid_number(value) == (True, "")

    @pytest.mark.parametrize("value", _NOT_A_NUMBER, ids=_NOT_A_NUMBER_IDS)
    def test_rejects_non_finite_or_non_numeric(self, value):
        assert is_valid_number(value) == (False, "It must be a finite number")


class TestIsValidPositiveNumber:
    @pytest.mark.parametrize("value", [1, 0.001, 1e6])
    def test_accepts_positive_values(self, value):
        assert is_valid_positive_number(value) == (True, "")

    @pytest.mark.parametrize("value", [0, 0.0, -1, -0.5])
    def test_rejects_non_positive_values(self, value):
        assert is_valid_positive_number(value) == (False, "It must be greater than 0")

    @pytest.mark.parametrize("value", _NOT_A_NUMBER, ids=_NOT_A_NUMBER_IDS)
    def test_rejects_non_numbers(self, value):
        success, error = is_valid_positive_number(value)

        assert not success
        assert error == "It must be a finite number"


class TestIsValidOpenUnit:
    @pytest.mark.parametrize("value", [0.05, 0.5, 0.999])
    def test_accepts_values_strictly_inside(self, value):
        assert is_valid_open_unit(value) == (True, "")

    @pytest.mark.parametrize("value", [0, 1, 1.5, -0.1])
    def test_rejects_values_on_or_outside_the_ends(self, value):
        assert is_valid_open_unit(value) == (
            False,
            "It must be between 0 and 1 (exclusive)",
        )

    def test_rejects_booleans(self):
        assert is_valid_open_unit(True) == (False, "It must be a finite number")
