import os
import sys

# allow `import strategies` from test modules regardless of invocation dir
sys.path.insert(0, os.path.dirname(__file__))
