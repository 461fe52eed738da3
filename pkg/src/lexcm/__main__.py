import sys

from lexcm.cli import main

sys.exit(main())
