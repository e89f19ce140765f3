"""Experiment configs, runners, reports and the command line."""
