from tdl.cli import main

main()
