from dataclasses import dataclass


@dataclass
class OpCounter:
    """Machine-independent work tally; every field only ever grows.

    One unit per adjacency entry scanned, per vertex visited and per class
    probe made while choosing a vertex's class.
    """

    vertex_visits: int = 0
    edge_scans: int = 0
    class_probes: int = 0

    @property
    def total(self) -> int:
        return self.vertex_visits + self.edge_scans + self.class_probes
