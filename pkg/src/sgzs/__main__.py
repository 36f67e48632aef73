import sys

from sgzs.cli import main

sys.exit(main())
