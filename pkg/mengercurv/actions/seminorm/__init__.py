from mengercurv.actions.seminorm.action import SeminormAction
