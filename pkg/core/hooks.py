"""
Fit observers.

Every component that learns from data (scaler, color model) reports the
row ids it was fitted on. Cross-validation tests register a hook to prove
that no test-fold row ever reaches a fit.
"""
from typing import Callable, List, Sequence

FitHook = Callable[[str, Sequence], None]
_fit_hooks: List[FitHook] = []


def register_fit_hook(hook: FitHook) -> None:
    _fit_hooks.append(hook)


def clear_fit_hooks() -> None:
    _fit_hooks.clear()


def notify_fit(component: str, rows: Sequence) -> None:
    for hook in list(_fit_hooks):
        hook(component, list(rows))
