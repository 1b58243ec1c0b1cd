import sys
from pathlib import Path

# allow the acceptance suite to reuse oracles defined in sibling test modules
sys.path.insert(0, str(Path(__file__).parent))
