// tests/oracle/itml_oracle_cases.hpp
// Generated by gen_itml_oracle.py; do not edit by hand.
// Reference objectives computed with cvxpy/CLARABEL on the slack
// LogDet formulation; see the generator script for details.

#pragma once

#include <vector>

namespace spdml_test {

struct OracleConstraint { int i; int j; bool similar; };

struct OracleCase {
  int d;
  int n;
  std::vector<double> points;  // n x d, row-major
  std::vector<OracleConstraint> constraints;
  double gamma;
  double l;
  double u;
  double reference_objective;
};

inline const std::vector<OracleCase>& itml_oracle_cases() {
  static const std::vector<OracleCase> cases = {
      {2, 3,
       {-0.57625847525440865, 0.42468119523264947, 0.79524690582734303, -1.1405324759339759, -1.5294776768231393, 0.64610333590023006},
       {{0, 1, true}, {0, 2, false}},
       1, 0.95765461061714219, 8.5964119093079319,
       2.0276264213253157},
      {3, 6,
       {-0.2801391698090735, 0.68287686986094731, 0.50932449701992899, 0.67306415846961709, 0.95896567196822624, 1.612991465542253, -0.82571443321053017, 1.0666531115558149, 0.11831361859384146, 1.0316388475594127, -0.17328708734546366, 0.20295448673368652, 0.47678146834742591, -0.48701539924869042, -0.6608383361024438, 0.9168379668578831, -0.057484060812410642, -0.22903543404467711},
       {{4, 5, false}, {1, 3, false}, {1, 2, true}},
       86.317397360736663, 2.2029023890978623, 4.4856588277277858,
       10.890930954403519},
      {1, 6,
       {2.027220684552514, -2.1180357791416498, -0.53409135761566295, -0.20699935566239444, -0.18044023317095081, -0.38919961995726643},
       {{3, 4, false}, {0, 2, false}, {4, 5, false}},
       0.85884701828394883, 0.10698917774179699, 4.8737667276436119,
       8.9479622232980844},
      {3, 4,
       {-0.76091791361604455, -0.26211580587115663, -2.4343052507780962, 0.9130557987923088, -0.76262136304211192, 0.2419099360243428, 0.49400721229237265, -0.10693990746622015, 0.084142894406077001, -0.42430327687765024, -0.22727890672344805, -0.75212319209559719},
       {{1, 2, true}, {1, 3, true}, {2, 3, false}},
       1.991362579789284, 1.5571165966947436, 7.9414976910636383,
       1.8377887709337333},
      {3, 3,
       {0.12142715438197742, 0.60978329535154574, 0.60286298033724262, 0.75809337414797029, 1.0169458475963036, 0.16571713336054766, -0.15792576934678998, 0.40974427521044632, 1.3645166138819276},
       {{0, 1, false}, {0, 2, true}, {1, 2, false}},
       0.61132189921968805, 0.69816992306664294, 2.6449050152550617,
       0.26334643200907148},
      {1, 3,
       {-1.2490148625652682, -0.65983713036577174, 0.62559260014400664},
       {{0, 1, true}, {0, 2, false}, {1, 2, false}},
       4.7120500037965982, 0.34713040011974156, 3.5141531392453049,
       0.70199364370257322},
      {2, 5,
       {1.0748669525764449, 1.4948898001219475, -0.85699392438278044, 0.082455433359796465, -0.22606040812686734, 0.3271141599325702, -0.90705361428873399, 2.1084815801750487, 1.2534601452668455, 1.4760746537299596},
       {{2, 3, false}, {0, 3, true}, {1, 2, true}},
       0.41964796081567252, 3.0561119436461959, 4.3045040059119257,
       0.024516418765578779},
      {3, 5,
       {-2.1044205295693446, -0.030991469015641364, -0.47416230942944443, -0.17510778467317614, -0.53787581176054655, 0.16549589142894125, -1.4377442616153799, 1.0176373549582309, -0.96237112191560481, 0.73527213057183094, -0.88158810353112305, -0.5611017170316267, -1.0101213750465059, 0.1838788166539915, 0.35728740471526432},
       {{0, 3, false}, {0, 2, false}, {0, 4, false}},
       30.255714542678788, 1.7824275013109998, 5.0250568264064466,
       1.1790231466555698},
      {3, 5,
       {2.2396946041714099, 1.1489888593491955, -0.31099857472203263, 1.3110328229830255, 1.8102572792196243, -0.059748523709355884, 0.12069655130920937, -0.6291383110777572, 1.3135834272442697, 0.0044862862688055472, -0.74916603592295361, -0.95874314541210237, 0.67251775342337261, -0.20286540027418656, 0.15211305915310555},
       {{1, 4, false}, {0, 4, false}},
       24.791689474255733, 1.9787119328399494, 9.0187212597250763,
       0.33727218591626168},
      {3, 6,
       {0.25149998738215695, -1.0659522818761629, -0.62627664449187781, -0.061808188972409077, -0.28466920801691481, -1.4882233847791226, -1.2773186673592347, 1.6452344758882842, -0.16407279412732226, -1.0214846283742454, 2.6171053228184853, -0.98943357209104066, 0.57384411148942149, 0.12318402816547187, 1.2245627945576558, -0.55310717859616165, 2.4088021629603005, 0.90320081063093083},
       {{1, 4, false}, {2, 4, false}, {1, 2, true}, {0, 2, true}},
       1.0594177672368279, 4.9435575273471066, 9.9014525138543945,
       0.18020445470275992},
      {3, 6,
       {0.81503439449876181, 0.91808092459969426, 0.68597656254518924, -0.59395618258597316, -0.84314753472612425, -0.63469948287744082, 0.58363643268312582, -0.87160979458919008, 0.0039403863030266443, 0.72425226475817639, -0.54559708416671937, -1.9057036256447311, 0.68923690229299595, 0.34082950914095317, -0.44612565817649447, -0.36345263543368567, 0.84051877270917708, -0.41127743933425087},
       {{1, 3, false}, {0, 1, true}, {2, 4, false}, {3, 5, false}},
       0.95321700863901671, 2.598813911765335, 3.7727973519550928,
       0.42190715418878105},
      {2, 4,
       {-1.4611526749320525, 1.0039271228705693, -1.5507437540615174, 1.5255720746041148, 1.3385197731595397, -0.3799809539991223, -0.5366221593478846, 0.82882775281620813},
       {{0, 2, true}, {0, 3, true}, {2, 3, true}, {1, 3, true}},
       0.466991633779265, 0.88541646363976134, 9.7533673818283386,
       1.0013386442280032},
      {2, 6,
       {0.19513818819455378, -1.394687299480772, -1.0092424685350394, -0.22415783414479945, 0.50955691576017759, 1.1889733741795421, -0.61986636022323982, 0.16106396039202406, 0.72022340359568859, 1.5620345786836962, 0.51698709404926324, -1.7307348946072851},
       {{4, 5, true}, {2, 4, false}, {0, 3, false}, {3, 5, false}},
       0.45917371709421134, 2.820671995524124, 6.1815355385109818,
       1.8303922012540303},
      {1, 5,
       {-1.8690745017400019, 0.40380670831292392, -0.2119189286582977, 1.580234709175879, 0.23701932362892214},
       {{0, 1, false}, {1, 3, false}, {3, 4, false}, {0, 3, false}},
       28.159986273384316, 0.37911806002361659, 3.2118146616022734,
       0.44979859735323507},
      {2, 5,
       {-0.82541175709022507, 0.69346017288758799, -0.32174681260196247, -0.056365177061205807, 0.74640974651380387, -1.5741144848325643, 1.4950539129552569, 1.5721891678128324, 0.070729699842287622, 0.59154602287218894},
       {{1, 4, true}, {0, 1, true}, {2, 4, true}},
       23.99774212713633, 0.81591643173219564, 5.952954130593346,
       0.98583081579481258},
      {3, 5,
       {0.097052793975028431, 1.6199738817852312, 1.1534307095242917, 1.3247736403315207, -0.16223749484136321, -0.60683804220918347, -1.1316593391154035, -1.4243756376653682, -1.5938875828129342, 0.33087126403925576, 0.74527507435936358, 0.068267492060771623, -1.3200362828620289, 1.7683613741122566, 0.57750876887950453},
       {{0, 3, false}, {1, 4, false}, {2, 4, true}},
       1.0069953999803758, 2.3618463812860644, 9.6091394702817716,
       2.2280543022856998},
      {2, 6,
       {0.58201398160583029, 1.4742219660895983, -0.44277781228638219, -1.2971154659686499, 1.3693598719077966, -1.0279598585343919, 1.0159878364570496, -1.0761084382198953, -1.2629424955813042, -0.062262043622427939, 1.6223088579821765, -0.016823630162655905},
       {{0, 5, false}, {0, 1, true}},
       0.66210798042963104, 2.197533082404437, 6.6925184778398528,
       0.53333761085395404},
      {3, 6,
       {-0.64240427240426268, 0.35964245032315878, -0.1442787041332651, 1.1871032231447658, 0.35325145371811545, -0.024768796717238233, -1.3237892035686487, -0.25575045966064502, -0.6165442509585658, -1.0693782846802813, -1.4182456604147224, 1.8686693142207733, 1.5438461613479282, 1.5385355382565276, -0.065886919578743736, 1.1149694077946852, -1.3431616125414174, 0.52660540020879643},
       {{1, 2, true}, {3, 5, false}, {1, 5, true}, {2, 5, true}},
       24.691493898434071, 6.1756251437443588, 8.4367977048723706,
       0.10114492102225683},
      {3, 3,
       {1.2810761106405457, 0.80313315342102154, -1.2926889429360833, 1.5256112081375961, 0.95955932362147978, -1.5115363312206778, 0.93257265372054654, -1.7011657618674527, -2.0089158237204336},
       {{0, 2, true}, {0, 1, true}},
       4.5050453573066402, 0.13216073999046274, 7.6785390671344658,
       2.8758750319608311},
      {3, 6,
       {-1.4285488144344081, 0.4784723525904353, 1.1383707206077716, -0.87105305777408204, -0.57093166595263256, 0.68808350112691929, 0.57342289916382483, -0.019022685516329043, 0.88789979703139332, -0.65904036120498488, -0.25583305926378269, -1.9402019950658613, -0.46890953302961452, -1.3444690424721761, 0.33637277225316764, 0.26927404814602701, 0.46255698357649228, 0.11795736009814416},
       {{2, 4, false}, {0, 1, true}, {3, 5, false}, {0, 4, true}},
       0.68602130965080643, 2.6934885138860287, 5.613871827509886,
       0.15219628492018103},
  };
  return cases;
}

}  // namespace spdml_test
