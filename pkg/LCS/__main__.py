from LCS.cli import main

main()
