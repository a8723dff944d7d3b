from mengercurv.actions.energy.action import EnergyAction
