"""Entry point for the MQ entanglement tool."""

from mq_entanglement.cli import app

if __name__ == "__main__":
    app()
