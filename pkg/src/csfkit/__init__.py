"""Cumulative subgoal fulfillment as an executable contract framework.

Plans and checked execution live in :mod:`csfkit.core`, counted add-only
arithmetic in :mod:`csfkit.addonly`, and the cube/power procedures in
:mod:`csfkit.algorithms`.
"""

__version__ = "0.1.0"
