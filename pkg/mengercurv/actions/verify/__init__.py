from mengercurv.actions.verify.action import VerifyAction
