import sys

from qpsurf.cli import main

sys.exit(main())
