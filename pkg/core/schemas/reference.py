"""
Published comparison figures for the three benchmark datasets.
Used only to print side by side with reproduced numbers.
"""
from typing import Dict

REFERENCE_RESULTS: Dict[str, Dict[str, Dict[str, float]]] = {
    "cresci-15": {
        "combined_accuracy": {"accuracy": 0.9957},
        "ablation": {"account": 0.9881, "content": 0.9865, "combined": 0.9957},
    },
    "cresci-17": {
        "random_forest": {
            "accuracy": 0.9943, "auc": 0.9997, "recall": 0.9901,
            "precision": 0.9865, "f1": 0.9883,
        },
        "dummy_majority": {"accuracy": 0.7582, "auc": 0.5},
        "ablation": {"account": 0.9912, "content": 0.9414, "combined": 0.9943},
        "chosen_k": {"k": 8},
    },
    "twibot-20": {
        "ablation": {"account": 0.7679, "content": 0.6827, "combined": 0.8544},
    },
}


def reference_for(dataset_id: str) -> Dict[str, Dict[str, float]]:
    return REFERENCE_RESULTS.get(dataset_id, {})
