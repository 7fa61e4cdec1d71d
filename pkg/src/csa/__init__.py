"""Community supported appliance toolkit.

Subpackages: instruction document model and wire format (model,
documents, lint, barcode), workflow engine (engine), simulated
appliance (sim), session host (session), repository and HTTP service
(store, service), line formats (transcript) and CLI (cli).
"""

__version__ = "0.1.0"
