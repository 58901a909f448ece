import sys

# Deep towers (S^(k) normal forms, large canonical trees) overflow the
# default limit long before they exhaust memory.
sys.setrecursionlimit(200_000)
