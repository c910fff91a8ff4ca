"""
Agent package for dymotif.
Drives the motif tools from an LLM through a Thought/Action/Observation loop.
"""
from .base import Agent, run_agent
from .messaging import ReactStep, parse_react_step

__all__ = ["Agent", "ReactStep", "parse_react_step", "run_agent"]
