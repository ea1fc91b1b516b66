#pragma once
// GUE Tracy-Widom CDF values F_GUE(y) on the uniform grid
// y = -10 + k/16, k = 0..256, computed by the Fredholm determinant in
// airy.hpp (successive-doubling tolerance 1e-8) and sanitized into a
// valid CDF (clamped to [0,1], nondecreasing).  Generated by
// tools/gen_fgue_table.cpp; do not edit by hand.

namespace betalab::detail {

inline constexpr double fgue_table_ymin = -10.0;
inline constexpr double fgue_table_ymax = 6.0;
inline constexpr double fgue_table_step = 0.062500;
inline constexpr int fgue_table_count = 257;

inline constexpr double fgue_table[257] = {
    4.172340565630852e-37,
    1.9830837677003577e-36,
    9.3154905841712616e-36,
    4.2164302865090338e-35,
    1.8765929287054815e-34,
    8.2194412364739797e-34,
    3.5285290514894917e-33,
    1.4895067598375505e-32,
    6.1567041613289079e-32,
    2.5009089198471221e-31,
    9.9716992389147426e-31,
    3.9039810023222325e-30,
    1.5011349670080787e-29,
    5.6687498101607297e-29,
    2.1025139751520382e-28,
    7.6596248853787871e-28,
    2.7421036263333105e-27,
    9.6447451731720243e-27,
    3.3338506105099072e-26,
    1.1325521337560383e-25,
    3.7818362180435376e-25,
    1.2414721909319487e-24,
    4.0067609303248056e-24,
    1.2715814146124358e-23,
    3.9685556919213787e-23,
    1.2181928698863855e-22,
    3.6782818550280872e-22,
    1.092631953727667e-21,
    3.1934007550295693e-21,
    9.1841452928779435e-21,
    2.5994571120145248e-20,
    7.2416516750566517e-20,
    1.9858998617914095e-19,
    5.3616012504655088e-19,
    1.4252867594698054e-18,
    3.7310719253555405e-18,
    9.6192598582416664e-18,
    2.4427524671153575e-17,
    6.1108287034826815e-17,
    1.5061098907568171e-16,
    3.6576509793803693e-16,
    8.7536646931077036e-16,
    2.0647749331666882e-15,
    4.8006911048108849e-15,
    1.1003633871333149e-14,
    2.4866971891304719e-14,
    5.5413702931844327e-14,
    1.2177889284325657e-13,
    2.6396147487797335e-13,
    5.6438549077970671e-13,
    1.1905043823228916e-12,
    2.4777593159257149e-12,
    5.0887755894295667e-12,
    1.0314463577692278e-11,
    2.063537020824234e-11,
    4.0753345043260945e-11,
    7.9460766257293449e-11,
    1.5297971236177487e-10,
    2.9084369438177045e-10,
    5.4611399545677534e-10,
    1.0128798363168332e-09,
    1.8558233594827352e-09,
    3.3594839545303868e-09,
    6.0092305008051827e-09,
    1.0622546740123854e-08,
    1.8559021600246316e-08,
    3.20517162677415e-08,
    5.4723068210138056e-08,
    9.237738903929353e-08,
    1.5420206242686949e-07,
    2.5456406878691389e-07,
    4.156613271683866e-07,
    6.7138387897799187e-07,
    1.0728627213716386e-06,
    1.6963386199998023e-06,
    2.6541733860018429e-06,
    4.1100545077140768e-06,
    6.2997111463121177e-06,
    9.5587626135486881e-06,
    1.4359652482276241e-05,
    2.135996984733953e-05,
    3.1464804750254603e-05,
    4.5906100751744069e-05,
    6.6342219589205078e-05,
    9.4981078721423725e-05,
    0.00013473021379905767,
    0.00018937690183399753,
    0.00026380100308270052,
    0.00036422238967844791,
    0.00049848368468407027,
    0.00067636750896802916,
    0.00090994551855396756,
    0.0012139542322991395,
    0.0016061900514344094,
    0.0021079130466956013,
    0.0027442461600478418,
    0.0035445535955085615,
    0.0045427795457013333,
    0.0057777262263029169,
    0.0072932486864613691,
    0.009138343239872497,
    0.011367106805325877,
    0.01403854610327249,
    0.017216218615177345,
    0.020967691492765547,
    0.02536381014102693,
    0.030477774842142345,
    0.036384031302408214,
    0.043156989078725706,
    0.050869590100297908,
    0.059591757527036729,
    0.069388762542553883,
    0.080319552939333697,
    0.092435092126505136,
    0.105776760150167,
    0.1203748692229903,
    0.13624734497924434,
    0.15339862118475819,
    0.17181879003936409,
    0.19148304272754502,
    0.21235142581958949,
    0.23436892890266961,
    0.25746590789121676,
    0.28155883732354831,
    0.3065513740959212,
    0.33233570499071952,
    0.35879414144749588,
    0.38580091765793367,
    0.41322414250512191,
    0.44092785228293652,
    0.46877410959060561,
    0.49662509426984364,
    0.52434513461476528,
    0.55180263113775374,
    0.57887183065351366,
    0.60543441504064655,
    0.63138087642072627,
    0.65661165831756307,
    0.68103805029222719,
    0.70458283128536847,
    0.72718066416707117,
    0.74877825057101055,
    0.76933426080039635,
    0.78881905831755839,
    0.80721424199928604,
    0.82451203193810862,
    0.84071452612132613,
    0.85583285588874369,
    0.8698862677504402,
    0.88290115805339486,
    0.89491008525083782,
    0.9059507822879358,
    0.91606518900928735,
    0.92529852165006166,
    0.93369839351552208,
    0.94131399799223192,
    0.94819536216175593,
    0.95439267658064653,
    0.95995570430825805,
    0.96493327004902574,
    0.96937282835526273,
    0.97332010822292581,
    0.97681883010687742,
    0.97991049037407985,
    0.98263420748512409,
    0.98502662372259719,
    0.98712185604076419,
    0.98895148956439716,
    0.99054460738371652,
    0.99192785054604993,
    0.9931255025030683,
    0.99415959270754217,
    0.99505001454023712,
    0.99581465326383112,
    0.99646952022744928,
    0.99702889006691597,
    0.99750543814938952,
    0.99791037598693633,
    0.99825358278462262,
    0.99854373169025767,
    0.99878840967211435,
    0.99899423026699519,
    0.99916693871414941,
    0.99931150922244782,
    0.99943223431115658,
    0.99953280632167429,
    0.99961639132189961,
    0.99968569572020138,
    0.99974302597570375,
    0.99979034183940252,
    0.99982930358979494,
    0.99986131374047382,
    0.99988755369830917,
    0.9999090158420707,
    0.99992653147493193,
    0.99994079508221279,
    0.99995238529968844,
    0.99996178296926364,
    0.99996938662895729,
    0.99997552575387627,
    0.99998047203505569,
    0.99998444895408312,
    0.99998763988393302,
    0.99999019492055863,
    0.9999922366257763,
    0.9999938648399197,
    0.99999516070263794,
    0.99999619000210072,
    0.9999970059566079,
    0.99999765151814635,
    0.99999816127467012,
    0.99999856301664791,
    0.99999887902359719,
    0.99999912711783123,
    0.9999993215252565,
    0.9999994735767137,
    0.99999959227794077,
    0.99999968477159751,
    0.99999975671085506,
    0.999999812560737,
    0.99999985584059714,
    0.99999988931875949,
    0.99999991516838926,
    0.99999993509203144,
    0.99999995042087875,
    0.99999996219371534,
    0.99999997121956696,
    0.99999997812729169,
    0.99999998340476537,
    0.9999999874297627,
    0.99999999049424981,
    0.99999999282344998,
    0.99999999459077593,
    0.99999999592950173,
    0.99999999694186315,
    0.99999999770614234,
    0.9999999982821729,
    0.9999999987156033,
    0.99999999904119774,
    0.9999999992853853,
    0.99999999946822093,
    0.99999999960489716,
    0.99999999970690268,
    0.99999999978291054,
    0.99999999983945587,
    0.99999999988145527,
    0.99999999991260169,
    0.99999999993566258,
    0.99999999995271061,
    0.99999999996529387,
    0.99999999997456712,
    0.99999999998139033,
    0.99999999998640365,
    0.99999999999008116,
    0.99999999999277467,
    0.99999999999474432,
    0.99999999999618272,
};

}  // namespace betalab::detail
