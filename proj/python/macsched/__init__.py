# Copyright 2026 The macsched Authors
# SPDX-License-Identifier: Apache-2.0
"""Python front end for the macsched simulator."""

from ._macsched import (
    ProtocolViolation,
    RoundLimitExceeded,
    bound_eval,
    csv_header,
    heavy_jobs_check,
    hypergeometric_tail_exact,
    job_lengths,
    mc_hypergeometric_tail,
    mc_mix_and_test,
    mix_and_test_exact,
    plans,
    run,
    sweep,
    sweep_csv,
    trace,
    verify,
)

__all__ = [
    "ProtocolViolation",
    "RoundLimitExceeded",
    "bound_eval",
    "csv_header",
    "heavy_jobs_check",
    "hypergeometric_tail_exact",
    "job_lengths",
    "mc_hypergeometric_tail",
    "mc_mix_and_test",
    "mix_and_test_exact",
    "plans",
    "run",
    "sweep",
    "sweep_csv",
    "trace",
    "verify",
]
