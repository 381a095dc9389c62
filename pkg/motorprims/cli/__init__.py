from motorprims.cli.CommandLine import CommandLine, main, EXIT_CODES, OUTPUT_FORMATS, OUTPUT_FILES
