#!/usr/bin/env python3
# Copyright 2026 The evollm Authors
# SPDX-License-Identifier: Apache-2.0
"""Freezes reference CartPole-v1 / Acrobot-v1 episodes produced by gymnasium.

Each episode stores the reset state, the scripted action sequence that was fed
to the reference simulator, and the resulting return/step count. The C++ suite
replays the same (initial state, actions) pairs through its own dynamics and
must reproduce the returns exactly.

Usage: python3 gen_env_fixture.py > ../data/env_reference.json
"""
import json
import random
import sys

import gymnasium as gym
import numpy as np

EPISODES = 50
MAX_STEPS = 500


def cartpole_controller(obs):
    x, x_dot, theta, theta_dot = obs
    return 1 if theta + 0.5 * theta_dot + 0.01 * x + 0.1 * x_dot > 0 else 0


def acrobot_controller(obs):
    # torque follows the second joint velocity; swings up in ~100 steps
    return 2 if obs[5] > 0 else 0


def run(env_id, seed, scripted, controller, n_actions):
    env = gym.make(env_id).unwrapped
    obs, _ = env.reset(seed=seed)
    initial = [float(v) for v in np.asarray(env.state, dtype=np.float64)]
    rng = random.Random(seed)
    actions, total, steps = [], 0.0, 0
    terminated = False
    while steps < MAX_STEPS and not terminated:
        a = rng.randrange(n_actions) if scripted else controller(obs)
        obs, reward, terminated, _, _ = env.step(a)
        actions.append(a)
        total += reward
        steps += 1
    final = [float(v) for v in np.asarray(env.state, dtype=np.float64)]
    return {
        "seed": seed,
        "policy": "random" if scripted else "feedback",
        "initial_state": initial,
        "actions": actions,
        "return": total,
        "steps": steps,
        "terminated": bool(terminated),
        "final_state": final,
    }


def main():
    out = {"generator": "gymnasium " + gym.__version__, "cartpole": [], "acrobot": []}
    for i in range(EPISODES):
        scripted = i % 2 == 0
        out["cartpole"].append(run("CartPole-v1", 1000 + i, scripted, cartpole_controller, 2))
        out["acrobot"].append(run("Acrobot-v1", 2000 + i, scripted, acrobot_controller, 3))
    json.dump(out, sys.stdout, indent=None, separators=(",", ":"))
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
