import sys

from lexcut.cli.service import main

if __name__ == '__main__':
    sys.exit(main())
