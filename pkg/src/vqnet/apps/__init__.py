"""End-to-end training flows (QAOA, VQE, classifier, circuit learning) and the CLI."""
