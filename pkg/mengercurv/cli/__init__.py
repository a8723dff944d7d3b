from mengercurv.cli.schemes import RunConfig, parse_count
