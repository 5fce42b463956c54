import sys

from toricalg.cli import main

sys.exit(main())
