"""
This module contains the function to stack and dedup report frames
"""
import logging
from typing import Dict, List

import pandas as pd

logger = logging.getLogger(__name__)


def stack_reports(frames: List[pd.DataFrame], key: List[str]) -> pd.DataFrame:
    """
    Stack report frames and keep the last row for every key.
    """
    frames = [frame for frame in frames if not frame.empty]
    if not frames:
        return pd.DataFrame()
    stacked = pd.concat(frames, ignore_index=True)

    unique_keys = stacked.drop_duplicates(subset=key).shape[0]
    logger.info("Number of unique keys: %d", unique_keys)
    logger.info("Number of duplicate keys: %d", len(stacked) - unique_keys)
    logger.info("Total number of rows: %d", len(stacked))
    return stacked.drop_duplicates(subset=key, keep="last").reset_index(drop=True)


def summarize(report: pd.DataFrame, trials: int) -> Dict:
    """
    {"failures": n, "trials": t, "by_check": {check: {"passed": p, "failed": f}}}.
    """
    if report.empty:
        return {"failures": 0, "trials": trials, "by_check": {}}
    by_check = {}
    for check, group in report.groupby("check", sort=True):
        failed = int((~group["passed"]).sum())
        by_check[check] = {"passed": int(group["passed"].sum()), "failed": failed}
    failures = sum(entry["failed"] for entry in by_check.values())
    return {"failures": failures, "trials": trials, "by_check": by_check}
