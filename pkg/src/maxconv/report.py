from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of a numerical identity check: worst gap and where it occurred."""

    max_error: float
    witness_x: float
    passed: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"max_error": self.max_error, "witness_x": self.witness_x, "pass": self.passed}
        out.update(self.extra)
        return out
