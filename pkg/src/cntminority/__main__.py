import sys

from cntminority.cli import main

sys.exit(main())
