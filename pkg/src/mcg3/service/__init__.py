"""FastAPI service wrapping the core library, plus the shared handlers the
CLI drives in-process."""
