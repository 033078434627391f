import sys

from sbInt.cli import main

sys.exit(main())
