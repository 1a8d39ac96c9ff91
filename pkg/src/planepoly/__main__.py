import sys

from planepoly.cli import main

sys.exit(main())
