"""Node implementations for the certification workflow."""
