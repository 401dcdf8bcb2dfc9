import sys

from hweyl.cli import main

sys.exit(main())
