import sys

from rcga.harness.cli import main

sys.exit(main())
