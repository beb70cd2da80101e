import sys

from stacked_sr.cli import main

sys.exit(main())
