import sys

from eit.main import main

sys.exit(main())
