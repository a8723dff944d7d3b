from mengercurv.actions.dorronsoro.action import DorronsoroAction
