"""External rule fixture: return the widest agent's interval, first on ties.

Not an endpoint rule: the output depends on interval widths, so the
identification probe's read-off phase yields plausible quotas on the
staircase profile but confirmation on random profiles must refute them.
"""

import json
import sys


def main() -> int:
    document = json.load(sys.stdin)
    best = None
    for agent in document["agents"]:
        width = agent["hi"] - agent["lo"]
        if best is None or width > best[0]:
            best = (width, agent)
    json.dump({"lo": best[1]["lo"], "hi": best[1]["hi"]}, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
