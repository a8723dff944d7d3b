from mengercurv.validators.config import RunConfigValidator
