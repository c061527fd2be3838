import sys

from tempcause.commands import main

sys.exit(main())
