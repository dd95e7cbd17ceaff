import sys

from geomid.cli import main

sys.exit(main())
