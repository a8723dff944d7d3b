from mengercurv.actions.knot.action import KnotAction
