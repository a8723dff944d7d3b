from mengercurv.runner.runner import ChunkRunner
