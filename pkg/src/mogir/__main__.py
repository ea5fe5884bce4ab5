import sys

from mogir.cli import main

sys.exit(main())
