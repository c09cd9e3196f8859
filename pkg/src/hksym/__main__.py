import sys

from hksym.cli import main

sys.exit(main())
