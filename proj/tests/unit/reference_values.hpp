#pragma once

// Reference values from an arbitrary-precision evaluation (40 digits),
// rounded to 17 significant digits. Arguments are exact doubles.

namespace relwave::testref {

// nu_re, nu_im, z_re, z_im, log|D_nu(z)|, arg D_nu(z), log|D'|, arg D'
struct PcfRef {
  double nu_re, nu_im, z_re, z_im, log_abs, arg, dlog_abs, darg;
};

inline constexpr PcfRef kPcf[] = {
    {-0.5, -5.0, -126.49110640673517, -126.49110640673517, 1.3334619703070175, -1.14177213075429, 5.8273724835947613, 2.7852499029294834},
    {-0.5, -5.0, 126.49110640673517, -126.49110640673517, -6.5202073143183305, 1.0971952720436887, -2.0269214997269, -2.8297642656240129},
    {-0.5, -5.0, -37.947331922020552, -37.947331922020552, 1.9338742594961438, 1.337145438995547, 5.2269602528605522, -1.0187057083448427},
    {-0.5, -5.0, 37.947331922020552, -37.947331922020552, -5.9166351357006124, 3.0494822341677729, -2.6304936172787847, -0.87715771238740397},
    {-0.5, -5.0, -9.4868329805051381, -9.4868329805051381, 2.6023958489407608, -1.9486796381243433, 4.558449849688202, 1.9830535774698115},
    {-0.5, -5.0, 9.4868329805051381, -9.4868329805051381, -5.1958196243632316, 1.0633404266648205, -3.3512872345821292, -2.8570238635722385},
    {-0.5, -5.0, -2.2135943621178655, -2.2135943621178655, 3.0784563820720495, -0.67848884978967334, 4.0825649354197126, -3.0153518921252297},
    {-0.5, -5.0, 2.2135943621178655, -2.2135943621178655, -2.9634802194804261, -1.8969127338699858, -2.6451302745770986, 1.9771092005724497},
    {-0.5, -5.0, 1.2649110640673518, 1.2649110640673518, 3.1415551277357746, 0.26680452692020161, 4.0194111668600728, -2.1056279057144081},
    {-0.5, -5.0, -1.2649110640673518, 1.2649110640673518, 7.1018237318525933, -1.9204703786741734, 7.8406707957960673, 2.0065204382501774},
    {-0.5, -5.0, 7.9056941504209481, 7.9056941504209481, 2.682779929806319, 0.17493691359969303, 4.4780750143279603, -2.187659229470674},
    {-0.5, -5.0, -7.9056941504209481, 7.9056941504209481, 10.363688870499702, -1.9204703787064992, 12.867350485883831, -1.1350722153090351},
    {-0.5, -5.0, 28.460498941515414, 28.460498941515414, 2.0763776636010299, -2.9022024013682572, 5.08445697344664, 1.0241823906674932},
    {-0.5, -5.0, -28.460498941515414, 28.460498941515414, 10.204347958490074, 1.2211222748833009, 13.347405804455497, 2.0065204382807607},
    {-0.5, -5.0, 79.056941504209476, 79.056941504209476, 1.568220151051782, -1.101539669064945, 5.5926143055474445, 2.8253713395429859},
    {-0.5, -5.0, -79.056941504209476, 79.056941504209476, 8.2983911804022288, 1.221122274883273, 14.125594179521041, 2.0065204382807568},
    {-0.5, -5.0, 189.73665961010275, 189.73665961010275, 1.1308160325419964, -1.8952746714711401, 6.0300184209689117, 2.0317022624122618},
    {-0.5, -5.0, -189.73665961010275, 189.73665961010275, 9.6411590516811434, 1.2211222748833091, 13.255745518337871, -1.1350722153090579},
    {-0.5, -0.5, -126.49110640673517, -126.49110640673517, -2.0767001823236055, -1.9905494188820897, 2.235485734803946, 2.2971964520236875},
    {-0.5, -0.5, 126.49110640673517, -126.49110640673517, -2.9860562523884782, -0.69557756695933867, 1.5075109089194574, 1.6606481761626835},
    {-0.5, -0.5, -37.947331922020552, -37.947331922020552, -1.6398244091330703, -0.016096562430543285, 1.8031814937037706, -2.744948535838098},
    {-0.5, -0.5, 37.947331922020552, -37.947331922020552, -2.3839118942133182, 2.118100728759819, 0.90536661066320849, -1.8085425043304015},
    {-0.5, -0.5, -9.4868329805051381, -9.4868329805051381, -1.050218983630089, 2.8214709130807239, 1.1748749958505235, 0.2120709073352267},
    {-0.5, -0.5, 9.4868329805051381, -9.4868329805051381, -1.6881690638529368, 0.11073915778977372, 0.20963967004943639, 2.472581668713473},
    {-0.5, -0.5, -2.2135943621178655, -2.2135943621178655, -0.10379882258566568, -2.7562296275902138, 0.23403523556593427, 0.89687468625563736},
    {-0.5, -0.5, 2.2135943621178655, -2.2135943621178655, -0.91868130942785868, 2.2372718512015178, -0.55177017024454093, -1.5626595231232316},
    {-0.5, -0.5, 1.2649110640673518, 1.2649110640673518, -0.02936687638366159, -1.466485060098918, 0.13173107294405064, 2.3185257064365795},
    {-0.5, -0.5, -1.2649110640673518, 1.2649110640673518, 1.3500033716917726, -0.0070631764820612455, 0.43736312245896808, -2.4014290571725705},
    {-0.5, -0.5, 7.9056941504209481, 7.9056941504209481, -0.8183929014126003, -1.4319229242682069, 0.91067436794122967, 2.4872597711298405},
    {-0.5, -0.5, -7.9056941504209481, 7.9056941504209481, 0.48288139143046419, 3.1169330791085973, 1.8404921722847764, -2.3585243234827931},
    {-0.5, -0.5, 28.460498941515414, 28.460498941515414, -1.4551550114567988, 1.1669544202109578, 1.5474061841090345, -1.1898562107457579},
    {-0.5, -0.5, -28.460498941515414, 28.460498941515414, 0.025860805471143394, -0.015926790624563961, 1.0090534734352668, -2.4531976434428735},
    {-0.5, -0.5, 79.056941504209476, 79.056941504209476, -1.9657119007213994, 1.2752329057132513, 2.0579628867573666, -1.0810415652789259},
    {-0.5, -0.5, -79.056941504209476, 79.056941504209476, -1.6677090144178408, 0.015836208857513596, 3.4986659246600915, -2.3769007676969329},
    {-0.5, -0.5, 189.73665961010275, 189.73665961010275, -2.4034132122934807, -1.8628958896755983, 2.4956641952274263, 2.064081039001459},
    {-0.5, -0.5, -189.73665961010275, 189.73665961010275, -1.530348799019548, -0.033819209169270899, 3.8125185972316136, 0.77484814918619316},
    {-0.5, 2.5, -126.49110640673517, -126.49110640673517, 3.9652478494263113, 0.29647822322689108, 6.975374995699496, -0.4889201147718407},
    {-0.5, 2.5, 126.49110640673517, -126.49110640673517, -0.62995550047893959, 2.2983823406206416, 3.8637991373940596, -1.6285772410095561},
    {-0.5, 2.5, -37.947331922020552, -37.947331922020552, 4.1915874786246198, 0.29647817285601297, 7.5836240719284254, 2.6526727388345633},
    {-0.5, 2.5, 37.947331922020552, -37.947331922020552, -0.028757626062639224, 1.5010900486726519, 3.2626013221478633, -2.4255553470453558},
    {-0.5, 2.5, -9.4868329805051381, -9.4868329805051381, 5.2980528081716341, 0.29647821254544653, 4.1892172784175323, 2.6526734495828556},
    {-0.5, 2.5, 9.4868329805051381, -9.4868329805051381, 0.65172044863455116, 1.6336262478368749, 2.5821363042900528, -2.2882427647885658},
    {-0.5, 2.5, -2.2135943621178655, -2.2135943621178655, 5.6751248773300884, 0.29647814629136051, 5.4945893898115759, 2.6526727753363934},
    {-0.5, 2.5, 2.2135943621178655, -2.2135943621178655, 1.2167395627205491, -0.33943527248345405, 2.0177382643724953, 2.0523697951024559},
    {-0.5, 2.5, 1.2649110640673518, 1.2649110640673518, -1.1118284224317901, 0.2601252865609266, -1.0068455610906329, 2.6983767450426207},
    {-0.5, 2.5, -1.2649110640673518, 1.2649110640673518, 1.3192610097128501, -2.6563626552714591, 1.9152943208112635, -0.33789150736680036},
    {-0.5, 2.5, 7.9056941504209481, 7.9056941504209481, -3.1497932169867765, -0.4966629805274955, -1.4703037432802689, -2.8619169098627141},
    {-0.5, 2.5, -7.9056941504209481, 7.9056941504209481, 0.73692439375969684, 0.59179299540526747, 2.4969402224047863, 2.941509894923465},
    {-0.5, 2.5, 28.460498941515414, 28.460498941515414, -3.8094930653212571, -0.31599617995830646, -0.81064473813521606, -2.6728137122055914},
    {-0.5, 2.5, -28.460498941515414, 28.460498941515414, 0.11415859247769624, 0.65076934662958675, 3.1196850441934804, 3.006941751515679},
    {-0.5, 2.5, 79.056941504209476, 79.056941504209476, -4.3216663140876304, 2.8588481715101675, -0.29847168025186448, 0.50257358522576211},
    {-0.5, 2.5, -79.056941504209476, 79.056941504209476, -0.39508158166129895, -1.2819611063181319, 3.6289255846357572, 1.0733771746506389},
    {-0.5, 2.5, 189.73665961010275, 189.73665961010275, -4.7595660335042075, 2.3473239261512817, 0.13942803605351147, -0.0088844558239520355},
    {-0.5, 2.5, -189.73665961010275, 189.73665961010275, -0.83250450429673002, 0.111606070866186, 4.0663483929513653, 2.4685108107580101},
};

// z_re, z_im, Re K1(z), Im K1(z)
struct K1Ref {
  double z_re, z_im, re, im;
};

inline constexpr K1Ref kK1[] = {
    {1.0, 0.0, 0.60190723019723457, 0.0},
    {0.01, 0.0, 99.973894118296246, 0.0},
    {0.001, 0.005, 38.455157680531807, -192.32174216429302},
    {0.3, -0.8, -0.11707316608241053, 1.2349428149105975},
    {2.0, 5.0, 0.060922218823614905, 0.044239495144978915},
    {7.5, -20.0, -3.0260169012737094e-5, 0.00014789388688970855},
    {30.0, 0.5, 1.8932876204308565e-14, -1.0553863889065195e-14},
    {0.05, 2.0, -0.86241032104483657, -0.17279678266506124},
    {12.0, 12.0, 1.8748403589038718e-6, 3.0001047465434948e-7},
    {0.2, 0.2, 2.2354367528885504, -2.6127464050074289},
};

}  // namespace relwave::testref
