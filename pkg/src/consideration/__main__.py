import sys

from consideration.cli import main

sys.exit(main())
