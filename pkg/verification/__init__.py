# Property suites and reproduction fixtures run by the CLI
