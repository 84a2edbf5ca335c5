import sys

from apps.orientation.cli import main

sys.exit(main())
