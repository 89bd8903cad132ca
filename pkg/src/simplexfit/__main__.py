import sys
sys.exit(__import__("simplexfit.cli", fromlist=["main"]).main())
