from mengercurv.actions.dorronsoro.action import DorronsoroAction
from mengercurv.actions.energy.action import EnergyAction
from mengercurv.actions.knot.action import KnotAction
from mengercurv.actions.report.action import ReportAction
from mengercurv.actions.seminorm.action import SeminormAction
from mengercurv.actions.verify.action import VerifyAction
