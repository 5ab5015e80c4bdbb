from banach.main import main

raise SystemExit(main())
