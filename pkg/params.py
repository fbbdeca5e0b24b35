import os
from dotenv import load_dotenv

load_dotenv(override=True)

# Enumeration of subgroups explodes quickly (elementary abelian groups), so it is bounded by group order
MAX_ORDER = int(os.getenv("PD_MAX_ORDER", "256"))

ELEMENT_CACHE_LIMIT = int(os.getenv("PD_ELEMENT_CACHE_LIMIT", "4096"))
SCAN_CROSSCHECK_LIMIT = int(os.getenv("PD_SCAN_CROSSCHECK_LIMIT", "64"))

# Primes of the supernatural grid swept by the integer suites
ZEE_PRIMES = tuple(int(p) for p in os.getenv("PD_ZEE_PRIMES", "2,3,5,7,11,13").split(","))

DB = os.getenv("PD_DB", "topologies.db")
JOBS = int(os.getenv("PD_JOBS", "1"))


