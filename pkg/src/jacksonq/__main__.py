import sys

from jacksonq.cli import main

sys.exit(main())
