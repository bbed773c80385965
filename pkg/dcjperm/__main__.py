from dcjperm.main import main

main()
