__all__ = ["constants", "error", "option", "check_jsons", "graph_core", "strategy",
           "adversary", "cost", "equilibrium", "constructions", "analysis",
           "formats", "cli"]
