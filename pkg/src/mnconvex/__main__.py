import sys

from mnconvex.cli import main

sys.exit(main())
