import sys

from risnoma.experiments.cli import main

sys.exit(main())
