import sys

from propercycles.cli import main

sys.exit(main())
